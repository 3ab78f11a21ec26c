# Generated by Django 5.2.6 on 2025-10-05 19:47

import django.core.validators
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='EstimateRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('created_at', models.DateTimeField(auto_now_add=True, db_index=True)),
                ('source', models.CharField(choices=[('api', 'API'), ('cli', 'Wiersz poleceń')], default='api', max_length=8, verbose_name='Źródło')),
                ('problem', models.JSONField(verbose_name='Problem')),
                ('dimension', models.PositiveSmallIntegerField(validators=[django.core.validators.MinValueValidator(1)], verbose_name='d')),
                ('ball_count', models.PositiveIntegerField(validators=[django.core.validators.MinValueValidator(1)], verbose_name='#A')),
                ('n', models.PositiveBigIntegerField(validators=[django.core.validators.MinValueValidator(1)], verbose_name='n')),
                ('log_value', models.FloatField(verbose_name='log Ψ')),
                ('winner_m', models.PositiveSmallIntegerField(verbose_name='m')),
                ('winner_kind', models.CharField(choices=[('QFace', 'x_i = 1/q_i'), ('HalfFace', 'x_i = 1/2'), ('OmegaEqualizer', 'ω′ wyrównane')], max_length=16, verbose_name='Rodzaj Z')),
                ('unique_minimum', models.BooleanField(default=True, verbose_name='Jednoznaczne minimum')),
                ('result', models.JSONField(verbose_name='Wynik')),
            ],
            options={
                'ordering': ['-created_at', '-id'],
                'indexes': [models.Index(fields=['winner_m', 'winner_kind'], name='core_run_winner_idx')],
            },
        ),
    ]
